#pragma once

#include <ostream>

namespace spreadnet {

// Exit codes: 0 success, 1 validation failure or no isomorphism, 2 parse
// or usage error, 3 bound reached without saturation under
// --require-saturation.
int cli_main(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace spreadnet
