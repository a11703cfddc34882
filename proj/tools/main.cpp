#include "cli.hpp"

int main(int argc, char** argv) { return invis::cli::run(argc, argv); }
