#include "floqa/experiments.hpp"

int main(int argc, char** argv) { return floqa::run_cli(argc, argv); }
