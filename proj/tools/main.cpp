#include "entorder/cli.hpp"

int main(int argc, char** argv) { return entorder::run_cli(argc, argv); }
