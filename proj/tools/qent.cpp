#include "qent/cli.hpp"

int main(int argc, char** argv) { return qent::cli_main(argc, argv); }
