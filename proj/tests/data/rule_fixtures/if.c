int f(int a) {
// a is positive
if (a > 0) {
a = a - 1;
}
return a;
}
