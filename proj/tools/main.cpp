// Copyright (c) 2026 the edmc authors
// SPDX-License-Identifier: Apache-2.0

#include "edmc/cli.hpp"

int main(int argc, char** argv) { return edmc::cli::run(argc, argv); }
