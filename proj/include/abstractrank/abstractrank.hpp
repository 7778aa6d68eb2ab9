#pragma once

#include "corpus.hpp"
#include "error.hpp"
#include "linalg.hpp"
#include "logreg.hpp"
#include "metrics.hpp"
#include "naive_bayes.hpp"
#include "persist.hpp"
#include "random.hpp"
#include "rank.hpp"
#include "segment.hpp"
#include "svm.hpp"
#include "textprep.hpp"
#include "unsupervised.hpp"
#include "vectorize.hpp"
