#pragma once

#include "imbalmed/balance.hpp"
#include "imbalmed/classifier.hpp"
#include "imbalmed/classifiers.hpp"
#include "imbalmed/config.hpp"
#include "imbalmed/csv.hpp"
#include "imbalmed/dataset.hpp"
#include "imbalmed/ensemble.hpp"
#include "imbalmed/error.hpp"
#include "imbalmed/experiment.hpp"
#include "imbalmed/matrix.hpp"
#include "imbalmed/metrics.hpp"
#include "imbalmed/preprocess.hpp"
#include "imbalmed/random.hpp"
#include "imbalmed/report.hpp"
#include "imbalmed/stats.hpp"
#include "imbalmed/synth.hpp"
