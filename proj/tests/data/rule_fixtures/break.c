int f(int n) {
while (n > 0) {
// stop scanning
break;
}
return n;
}
