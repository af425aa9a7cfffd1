fn main() {
    std::process::exit(normforge::cli::main_entry());
}
