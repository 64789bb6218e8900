#include "sepqr/cli_io.hpp"

int main(int argc, char** argv) { return sepqr::run_cli(argc, argv); }
