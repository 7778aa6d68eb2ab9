#pragma once

// Topic modeling, variance analysis and cluster-count selection.
#include "kmeans.hpp"
#include "nmf.hpp"
#include "pca.hpp"
