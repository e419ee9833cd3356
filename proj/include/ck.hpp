#pragma once

#include "ck/rational.hpp"
#include "ck/poly.hpp"
#include "ck/scalar.hpp"
#include "ck/ideal.hpp"
#include "ck/parse.hpp"
#include "ck/format.hpp"
#include "ck/lie_algebra.hpp"
#include "ck/catalog.hpp"
#include "ck/definition.hpp"
#include "ck/uea.hpp"
#include "ck/expand.hpp"
#include "ck/report.hpp"
