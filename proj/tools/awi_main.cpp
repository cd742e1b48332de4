#include "awi/cli.hpp"

int main(int argc, char** argv) { return awi::run_cli(argc, argv); }
