int f(int *items) {
int s = 0;
// each value in items
for (int v : items) {
s = s + v;
}
return s;
}
