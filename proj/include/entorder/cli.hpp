// cli.hpp - command line front end
//
// Exit codes: 0 success or definite result, 1 input or usage error,
// 2 scientifically inconclusive (needs a longer horizon).

#pragma once

namespace entorder {

int run_cli(int argc, const char* const* argv);

}  // namespace entorder
