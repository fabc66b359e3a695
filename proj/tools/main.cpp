#include "cli.hpp"

int main(int argc, char** argv) { return qs::cli::run(argc, argv); }
