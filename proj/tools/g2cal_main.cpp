// Placeholder; the CLI is assembled once the analysis modules are in place.
int main() { return 0; }
