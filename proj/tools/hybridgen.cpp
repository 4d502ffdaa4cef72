#include "hybridgen/cli.hpp"

int main(int argc, char** argv) { return hybridgen::cli::run_cli(argc, argv); }
