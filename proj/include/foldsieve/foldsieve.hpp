#pragma once

#include "foldsieve/common.hpp"
#include "foldsieve/sieve_core.hpp"
#include "foldsieve/interval_lab.hpp"
#include "foldsieve/folded_scale.hpp"
#include "foldsieve/totient_identities.hpp"
#include "foldsieve/analytic_bounds.hpp"
#include "foldsieve/verify.hpp"
#include "foldsieve/report.hpp"
