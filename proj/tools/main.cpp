#include "cli/cli.hpp"

int main(int argc, char** argv) { return tunnelkit::cli::run(argc, argv); }
