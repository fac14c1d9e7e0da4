#include <iostream>

#include "margraph/commands.hpp"

int main(int argc, char** argv) {
    return margraph::cli::run(argc, argv, std::cout, std::cerr);
}
