#ifndef FMTK_FMTK_HPP
#define FMTK_FMTK_HPP

#include "fmtk/analysis.hpp"
#include "fmtk/errors.hpp"
#include "fmtk/families.hpp"
#include "fmtk/fitting.hpp"
#include "fmtk/integrals.hpp"
#include "fmtk/io.hpp"
#include "fmtk/layout.hpp"
#include "fmtk/measure.hpp"
#include "fmtk/random.hpp"
#include "fmtk/render.hpp"
#include "fmtk/simplex.hpp"
#include "fmtk/subsets.hpp"
#include "fmtk/transforms.hpp"

#endif // FMTK_FMTK_HPP
