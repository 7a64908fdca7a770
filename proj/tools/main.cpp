/**
 * Copyright 2026, The qmlkit Authors.
 *
 * This source code is licensed under the Apache License, Version 2.0 found in
 * the LICENSE.txt file in the root directory of this source tree.
 */

#include <iostream>

#include "cli.hpp"

int main(int argc, char **argv) {
  return qmlkit::cli::run_cli({argv + 1, argv + argc}, std::cout, std::cerr);
}
