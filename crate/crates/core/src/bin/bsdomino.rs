fn main() {
    std::process::exit(bsdomino::cli::main());
}
