#include "dilutron/cli.hpp"

int main(int argc, char** argv) { return dilutron::run_cli(argc, argv); }
