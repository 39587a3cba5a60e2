#pragma once

#include "lgg/analysis.hpp"
#include "lgg/denoise.hpp"
#include "lgg/error.hpp"
#include "lgg/fewlabel.hpp"
#include "lgg/graph.hpp"
#include "lgg/losses.hpp"
#include "lgg/spectral.hpp"
#include "lgg/types.hpp"
#include "lgg/version.hpp"
