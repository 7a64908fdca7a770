/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qmlkit::cli {

/**
 * Runs one CLI invocation. `args` excludes the program name. Results go to
 * `out`; errors are written to `err` as single-line JSON.
 *
 * Exit codes: 0 success, 2 usage or validation error, 3 domain failure
 * (no evidence support, non-convergence, failed gradient check), 1 internal error.
 */
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace qmlkit::cli
