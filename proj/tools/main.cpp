#include "statemap/cli.hpp"

int main(int argc, char** argv) { return statemap::cli::main(argc, argv); }
