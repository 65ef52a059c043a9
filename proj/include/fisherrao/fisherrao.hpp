#pragma once

#include "fisherrao/errors.hpp"
#include "fisherrao/families/dirichlet.hpp"
#include "fisherrao/families/gamma.hpp"
#include "fisherrao/families/multinomial.hpp"
#include "fisherrao/families/normal.hpp"
#include "fisherrao/families/scalar.hpp"
#include "fisherrao/generic/fisher_rao.hpp"
#include "fisherrao/geometry/manifold.hpp"
#include "fisherrao/geometry/riemannian.hpp"
#include "fisherrao/learning/datasets.hpp"
#include "fisherrao/learning/distances.hpp"
#include "fisherrao/learning/geometry.hpp"
#include "fisherrao/learning/karcher.hpp"
#include "fisherrao/learning/kmeans.hpp"
#include "fisherrao/learning/knn.hpp"
#include "fisherrao/numerics/finite_diff.hpp"
#include "fisherrao/numerics/ode.hpp"
#include "fisherrao/numerics/quadrature.hpp"
#include "fisherrao/numerics/random.hpp"
#include "fisherrao/numerics/special.hpp"
