#pragma once

// jordan-kit: executable finite-group constructions with checkable
// certificates, constant formulas over structural profiles, and a survey
// harness that measures index bounds against a brute-force oracle.

#include "analysis.hpp"
#include "bigint.hpp"
#include "catalog.hpp"
#include "constants.hpp"
#include "element.hpp"
#include "errors.hpp"
#include "group.hpp"
#include "homomorphism.hpp"
#include "io.hpp"
#include "prime_field.hpp"
#include "rational.hpp"
#include "survey.hpp"
#include "util.hpp"
#include "witness.hpp"
