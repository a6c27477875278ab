#ifndef FORCING_FORCING_HPP
#define FORCING_FORCING_HPP

#include "axioms.hpp"
#include "boolalg.hpp"
#include "cohen.hpp"
#include "completion.hpp"
#include "errors.hpp"
#include "formula.hpp"
#include "hfset.hpp"
#include "laws.hpp"
#include "names.hpp"
#include "order.hpp"
#include "semantics.hpp"

#endif
