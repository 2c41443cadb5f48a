int f(int n) {
int s = 0;
// n remains positive
while (n > 0) {
s = s + n;
n = n - 1;
}
return s;
}
