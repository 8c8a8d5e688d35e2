#pragma once

#include "ctensor/admm.hpp"
#include "ctensor/circulant_tensor.hpp"
#include "ctensor/dense_tensor.hpp"
#include "ctensor/hypergraph.hpp"
#include "ctensor/json_io.hpp"
#include "ctensor/moments.hpp"
#include "ctensor/multilinear.hpp"
#include "ctensor/numeric.hpp"
#include "ctensor/psd.hpp"
#include "ctensor/special_root.hpp"
#include "ctensor/spectral.hpp"
#include "ctensor/structure.hpp"
