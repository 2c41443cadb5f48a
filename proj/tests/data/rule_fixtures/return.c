int f(int a) {
// the doubled input
return a * 2;
}
