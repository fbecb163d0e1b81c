fn main() {
    std::process::exit(golden_gaps::cli::main_entry());
}
