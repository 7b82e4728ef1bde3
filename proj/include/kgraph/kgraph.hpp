#ifndef KGRAPH_KGRAPH_HPP
#define KGRAPH_KGRAPH_HPP

#include "builtin.hpp"
#include "io.hpp"
#include "representation.hpp"

#endif
