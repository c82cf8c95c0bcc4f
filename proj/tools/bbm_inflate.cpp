#include "bbm/cli.hpp"

int main(int argc, char** argv) { return bbm::cli::run(argc, argv); }
