#pragma once

#include "impact/axiom_lab.hpp"
#include "impact/bundles.hpp"
#include "impact/dataset.hpp"
#include "impact/dominance.hpp"
#include "impact/errors.hpp"
#include "impact/fixtures.hpp"
#include "impact/global_measures.hpp"
#include "impact/measures.hpp"
#include "impact/piecewise_linear.hpp"
#include "impact/quadrature.hpp"
#include "impact/report.hpp"
#include "impact/verdict.hpp"
