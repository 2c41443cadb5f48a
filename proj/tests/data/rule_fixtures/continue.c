int f(int n) {
while (n > 0) {
n = n - 1;
// skip the rest
continue;
}
return 0;
}
