#pragma once

#include "relci/bundle.hpp"
#include "relci/bundle_cones.hpp"
#include "relci/ci_invariants.hpp"
#include "relci/contact.hpp"
#include "relci/errors.hpp"
#include "relci/exact_math.hpp"
#include "relci/oracles.hpp"
#include "relci/relative_ci.hpp"
#include "relci/verdicts.hpp"
