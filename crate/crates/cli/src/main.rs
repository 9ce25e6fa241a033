fn main() {
    std::process::exit(pfgas_cli::run(std::env::args_os()));
}
