int f(int n) {
int s = 0;
// start at zero; below n; step by one
for (int i = 0; i < n; i = i + 1) {
s = s + i;
}
return s;
}
