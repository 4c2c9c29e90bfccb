fn main() {
    std::process::exit(multiseg::cli::main());
}
