#include "tpkit/parser.hpp"

#include <iostream>

int main() {
    std::cout << "tpk: placeholder\n";
    return 0;
}
