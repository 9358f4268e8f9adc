#include "itkit/cli.hpp"

int main(int argc, char** argv) { return itkit::cli::main(argc, argv); }
