#include <cstdio>

int main() {
  std::printf("ordepth cli placeholder\n");
  return 0;
}
