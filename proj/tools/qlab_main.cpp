#include "qlab/cli.hpp"

int main(int argc, char** argv) { return qlab::run_cli(argc, argv); }
