#include "commands.hpp"

int main(int argc, char** argv) { return reglab::cli::dispatch(argc, argv); }
