#pragma once

// Umbrella header: edge-centric network embeddings and the path-based
// link-prediction pipeline built on them.

#include "ecne/alias.hpp"
#include "ecne/centrality.hpp"
#include "ecne/communities.hpp"
#include "ecne/config.hpp"
#include "ecne/embedding.hpp"
#include "ecne/eval.hpp"
#include "ecne/graph.hpp"
#include "ecne/io.hpp"
#include "ecne/kmeans.hpp"
#include "ecne/linegraph.hpp"
#include "ecne/linkmodel.hpp"
#include "ecne/linkpred.hpp"
#include "ecne/metrics.hpp"
#include "ecne/nn.hpp"
#include "ecne/parallel.hpp"
#include "ecne/paths.hpp"
#include "ecne/pipeline.hpp"
#include "ecne/rng.hpp"
#include "ecne/skipgram.hpp"
#include "ecne/walks.hpp"
