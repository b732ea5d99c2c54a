#pragma once

#include "abstube/applications.hpp"
#include "abstube/eps_poly.hpp"
#include "abstube/errors.hpp"
#include "abstube/indicator_oracle.hpp"
#include "abstube/lex_lp.hpp"
#include "abstube/mvn_prob.hpp"
#include "abstube/polyhedron.hpp"
#include "abstube/scalar.hpp"
#include "abstube/subset_enum.hpp"
#include "abstube/tube_builder.hpp"
#include "abstube/tube_prob.hpp"
