fn main() {
    // filled in after the library lands
}
