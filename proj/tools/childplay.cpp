#include "childplay/cli/app.hpp"

int main(int argc, char** argv) { return childplay::cli::run_cli(argc, argv); }
