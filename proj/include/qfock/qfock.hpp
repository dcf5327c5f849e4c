#ifndef QFOCK_QFOCK_HPP
#define QFOCK_QFOCK_HPP

#include "qfock/hirota.hpp"
#include "qfock/json.hpp"
#include "qfock/partitions.hpp"
#include "qfock/polyring.hpp"
#include "qfock/qcalc.hpp"
#include "qfock/rational.hpp"
#include "qfock/virasoro.hpp"

#endif  // QFOCK_QFOCK_HPP
