#include "hhsimplex/cli.hpp"

int main(int argc, char** argv) { return hhsimplex::cli::run(argc, argv); }
