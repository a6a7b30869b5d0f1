#pragma once

// Command-line front end of splicecalc.

#include <ostream>
#include <string_view>

#include "splice/linkcore.hpp"
#include "splice/spliceengine.hpp"

namespace splice::cli {

/// Parses the splice-expression language:
///   expr := NAME | 'splice(' expr '@' COMP ',' expr '@' COMP ')'
///         | 'cable(' expr '@' COMP ',' INT ',' INT ',' INT ')'
///         | 'connsum(' expr '@' COMP ',' expr '@' COMP ')'
///         | 'satellite(' expr ',' expr '@' COMP ')'
/// NAME resolves against `catalog` (including torus(p,q,d)). Throws
/// SyntaxError with an offset, UnknownName, or UnknownComponent.
engine::ExprPtr parse_expr(std::string_view text, const link::Catalog& catalog);

/// Runs one invocation. Returns 0 on success, 1 on a domain error or failing
/// self-test, 2 on a syntax or usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace splice::cli
