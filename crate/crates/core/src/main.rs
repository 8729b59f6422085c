fn main() {
    std::process::exit(alopc::cli::run(std::env::args_os()));
}
