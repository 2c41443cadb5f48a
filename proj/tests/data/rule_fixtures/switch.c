int f(int a) {
// select handler for a
switch (a) {
case 1:
return 2;
default:
return 0;
}
}
