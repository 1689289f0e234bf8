#pragma once

// Convenience include for the whole library. The command-line driver lives in
// tql/cli.hpp and is kept out of here so library users do not pull in CLI11.

#include "tql/ast.hpp"
#include "tql/core.hpp"
#include "tql/csv.hpp"
#include "tql/eval.hpp"
#include "tql/ir.hpp"
#include "tql/lexer.hpp"
#include "tql/parser.hpp"
#include "tql/predicate.hpp"
#include "tql/relation.hpp"
#include "tql/render.hpp"
#include "tql/repository.hpp"
#include "tql/solver.hpp"
#include "tql/tcra.hpp"
#include "tql/translate.hpp"
