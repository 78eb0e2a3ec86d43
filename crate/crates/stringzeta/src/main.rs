fn main() {
    std::process::exit(stringzeta::cli::main_entry());
}
