#include "diskweyl/cli.hpp"

int main(int argc, char** argv) { return diskweyl::cli::main(argc, argv); }
