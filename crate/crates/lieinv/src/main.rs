fn main() {
    // Placeholder while the library is under construction; replaced by the
    // full command-line interface.
}
