#include "coword/cli.hpp"

int main(int argc, char** argv) { return coword::cli_main(argc, argv); }
