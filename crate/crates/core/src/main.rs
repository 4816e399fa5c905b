fn main() {
    std::process::exit(sinegap::cli::main());
}
