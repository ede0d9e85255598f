#ifndef PETITLAB_HPP
#define PETITLAB_HPP

#include "petitlab/cpoly.hpp"
#include "petitlab/field.hpp"
#include "petitlab/fp_linalg.hpp"
#include "petitlab/kmat.hpp"
#include "petitlab/mrd.hpp"
#include "petitlab/orbits.hpp"
#include "petitlab/parse.hpp"
#include "petitlab/petit.hpp"
#include "petitlab/report.hpp"
#include "petitlab/skew.hpp"
#include "petitlab/util.hpp"

#endif
