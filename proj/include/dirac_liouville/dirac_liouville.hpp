#pragma once

// Umbrella header.

#include "dirac_liouville/cli.hpp"
#include "dirac_liouville/dirac.hpp"
#include "dirac_liouville/errors.hpp"
#include "dirac_liouville/eval.hpp"
#include "dirac_liouville/gaussian_rational.hpp"
#include "dirac_liouville/kovacic.hpp"
#include "dirac_liouville/linear.hpp"
#include "dirac_liouville/parse.hpp"
#include "dirac_liouville/polynomial.hpp"
#include "dirac_liouville/rational.hpp"
#include "dirac_liouville/solution.hpp"
#include "dirac_liouville/verify.hpp"
