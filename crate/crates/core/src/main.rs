fn main() {
    std::process::exit(g2eis::cli::run(std::env::args_os()));
}
