#include "lpcert/cli.hpp"

int main(int argc, char** argv) { return lpcert::cli::run(argc, argv); }
