#include "qmorris/cli.hpp"

int main(int argc, char** argv) { return qmorris::cli::run(argc, argv); }
