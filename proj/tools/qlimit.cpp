#include <qlimit/boolfn.hpp>

#include <iostream>

int main()
{
  std::cout << "qlimit placeholder\n";
  return 0;
}
