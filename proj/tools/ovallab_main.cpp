#include "ovallab/cli.hpp"

int main(int argc, char** argv) { return ovallab::run_cli(argc, argv); }
