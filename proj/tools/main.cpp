#include <cstdio>

int main() {
  std::puts("kantolab 0.1.0");
  return 0;
}
