#include "alphamix/cli/cli.hpp"

int main(int argc, char** argv) { return alphamix::cli::run(argc, argv); }
