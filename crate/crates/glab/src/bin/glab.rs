fn main() {
    std::process::exit(glab::cli::main());
}
