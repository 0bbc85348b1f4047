fn main() {
    std::process::exit(kz_duality::cli::main_entry());
}
