int f(int a) {
switch (a) {
// the small branch
case 1:
return 10;
default:
return 0;
}
}
