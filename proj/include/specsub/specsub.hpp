#pragma once

#include "specsub/config.hpp"
#include "specsub/corpus.hpp"
#include "specsub/eigenbasis.hpp"
#include "specsub/errors.hpp"
#include "specsub/graph.hpp"
#include "specsub/invariants.hpp"
#include "specsub/linalg.hpp"
#include "specsub/report.hpp"
#include "specsub/spanning_tree.hpp"
#include "specsub/spectra.hpp"
#include "specsub/transforms.hpp"
#include "specsub/verify.hpp"
#include "specsub/walk.hpp"
