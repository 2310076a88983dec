fn main() {
    std::process::exit(flashhelp::cli::main());
}
