fn main() {
    std::process::exit(crossangle::cli::run(std::env::args_os()));
}
