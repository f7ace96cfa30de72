#include "pathmerge/cli.hpp"

int main(int argc, char** argv) { return pathmerge::run_cli(argc, argv); }
