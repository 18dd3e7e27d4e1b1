#pragma once

// Umbrella header: the whole library in one include.

#include "shrinkca/berlekamp_massey.hpp"
#include "shrinkca/bit_seq.hpp"
#include "shrinkca/cellular_automaton.hpp"
#include "shrinkca/cryptanalysis.hpp"
#include "shrinkca/error.hpp"
#include "shrinkca/field_table.hpp"
#include "shrinkca/generators.hpp"
#include "shrinkca/gf2_linear.hpp"
#include "shrinkca/gf2_poly.hpp"
#include "shrinkca/lfsr.hpp"
#include "shrinkca/linearizer.hpp"
#include "shrinkca/rule_vector.hpp"
