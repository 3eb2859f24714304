#include "bmc/cli.hpp"

int main(int argc, char** argv) { return bmc::cli::main(argc, argv); }
