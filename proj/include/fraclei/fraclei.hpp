#ifndef FRACLEI_FRACLEI_HPP
#define FRACLEI_FRACLEI_HPP

#include "fraclei/algebroid.hpp"
#include "fraclei/brackets.hpp"
#include "fraclei/config.hpp"
#include "fraclei/errors.hpp"
#include "fraclei/expr.hpp"
#include "fraclei/fracfield.hpp"
#include "fraclei/fracsolve.hpp"
#include "fraclei/genpoly.hpp"
#include "fraclei/gloracle.hpp"
#include "fraclei/registry.hpp"
#include "fraclei/special.hpp"
#include "fraclei/verify.hpp"

#endif  // FRACLEI_FRACLEI_HPP
