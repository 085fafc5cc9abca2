#pragma once

#include "subsum/arith.hpp"
#include "subsum/babai.hpp"
#include "subsum/errors.hpp"
#include "subsum/exact_linalg.hpp"
#include "subsum/instance_gen.hpp"
#include "subsum/lll.hpp"
#include "subsum/lo_classic.hpp"
#include "subsum/modular_tester.hpp"
#include "subsum/oracle.hpp"
#include "subsum/sizing.hpp"
#include "subsum/subset_sum.hpp"
#include "subsum/truncated_lo.hpp"
#include "subsum/experiment.hpp"
#include "subsum/serialize.hpp"
#include "subsum/verify.hpp"
