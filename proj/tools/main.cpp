#include "emalg/cli.hpp"

int main(int argc, char** argv) { return emalg::run(argc, argv); }
