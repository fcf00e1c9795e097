#pragma once

#include "realnull/certificates.hpp"
#include "realnull/certsearch.hpp"
#include "realnull/freemodule.hpp"
#include "realnull/gram.hpp"
#include "realnull/groebner.hpp"
#include "realnull/linalg.hpp"
#include "realnull/matrix.hpp"
#include "realnull/parse.hpp"
#include "realnull/poly.hpp"
#include "realnull/radical.hpp"
#include "realnull/zeroset.hpp"
