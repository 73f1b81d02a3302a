#pragma once

#include "toricap/capacities.hpp"
#include "toricap/error.hpp"
#include "toricap/moment_domain.hpp"
#include "toricap/rational.hpp"
#include "toricap/rounding.hpp"
#include "toricap/sft_ledger.hpp"
