#pragma once

#include "facetbench/dataset.hpp"
#include "facetbench/error.hpp"
#include "facetbench/facets.hpp"
#include "facetbench/lp.hpp"
#include "facetbench/measures.hpp"
#include "facetbench/partition.hpp"
#include "facetbench/report.hpp"
#include "facetbench/robust.hpp"
#include "facetbench/scenario.hpp"
#include "facetbench/sign_pattern.hpp"
