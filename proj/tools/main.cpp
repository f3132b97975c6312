#include "qcolloid/cli.hpp"

int main(int argc, char** argv) { return qcolloid::cli::run(argc, argv); }
