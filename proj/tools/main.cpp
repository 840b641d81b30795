#include <cstdio>

int main() {
  std::puts("hhq: command-line interface not wired up yet");
  return 2;
}
