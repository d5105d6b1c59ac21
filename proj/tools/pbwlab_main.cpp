#include <cstdio>

int main() {
    std::puts("pbwlab: placeholder");
    return 0;
}
