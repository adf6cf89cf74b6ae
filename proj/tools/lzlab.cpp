#include "lz/cli.hpp"

int main(int argc, char** argv) { return lz::cli::run(argc, argv); }
